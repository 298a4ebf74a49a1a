package net.sf.jabref.collab;

public class DatabaseChangeMonitor {


        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



    public Object run() {


        handleEntry(current, database);
        // padding



        // padding



        // padding



        // padding

        logger.info(status.toString());

        // padding



        // padding
        panel.refresh();


        // padding

}
