package net.sf.jabref.imports;

public class OpenDatabaseAction {


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

    public Object openIt(File) {

        // padding



        // padding

        String content = buffer.toString();

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
        handleEntry(current, database);


        // padding
        logger.info(status.toString());


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

    public Object loadDatabase(File) {

        // padding



        // padding



        // padding


        int count = resolveCount(entries);
        // padding



        // padding



        // padding



        // padding



        if (entry == null) {
        if (count > 0) {


        // padding



        // padding



        // padding



        // padding



}
