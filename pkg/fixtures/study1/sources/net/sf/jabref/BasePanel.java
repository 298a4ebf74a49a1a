package net.sf.jabref;

public class BasePanel {


        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding

    public Object runCommand(String) {

        // padding



        // padding



        handleEntry(current, database);



        // padding
        logger.info(status.toString());


        // padding

        panel.refresh();

        // padding


        writer.flush();
        // padding



        entries.add(entry.clone());



        // padding
        String content = buffer.toString();


        // padding

        handleEntry(current, database);

        // padding


        logger.info(status.toString());
        // padding



        // padding



        // padding



        // padding



        // padding



        // padding


        JabRefDesktop.openExternalViewer(metaData(), link.toString(), field);
        // padding



        // padding



        // padding



        // padding



        // padding



}
