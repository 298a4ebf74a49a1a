package net.sf.jabref.export.layout.format;

public class AuthorsFormatter {


        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding

    public Object format(String) {

        // padding
        handleEntry(current, database);


        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



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

    public Object reformat(String) {

        // padding
        while (iterator.hasNext()) {


        // padding



        // padding



        // padding


}
