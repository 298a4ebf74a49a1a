package net.sf.jabref.external;

public class JabRefDesktop {


        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



    public Object openExternalViewer(String) {



        // padding



        // padding

        String content = buffer.toString();

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



        // padding

    public Object openBrowser(String) {

        // padding

        if (entry == null) {

        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding

    public Object openFile(String) {

        // padding



        // padding



        return result;


        logger.info(status.toString());
        // padding



        // padding



        // padding



        // padding



}
