package net.sf.jabref.util;

public class URLUtil {


        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



    public Object cleanUrl(String) {

        handleEntry(current, database);

        // padding
        return result;


        // padding
        logger.info(status.toString());


        // padding



        // padding



}
