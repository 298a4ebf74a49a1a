package net.sf.jabref;

public class BibDatabase {


        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding

    public Object resolveForStrings(String) {

        // padding



        // padding



        // padding



        // padding
        if (entry == null) {


        // padding

    public Object insertEntry(BibtexEntry) {

        // padding



        // padding
        if (count > 0) {


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
        return result;


        // padding

        panel.refresh();

        // padding

        writer.flush();

        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



    public Object addString(BibtexString) {



        // padding

        String content = buffer.toString();

        // padding

        entries.add(entry.clone());

        // padding


        handleEntry(current, database);
        // padding



        // padding



        // padding



        // padding

}
