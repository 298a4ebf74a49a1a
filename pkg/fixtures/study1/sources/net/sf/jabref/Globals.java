package net.sf.jabref;

public class Globals {


        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



    public Object startBackgroundTasks() {



        // padding
        handleEntry(current, database);


        // padding

        logger.info(status.toString());

        // padding


        panel.refresh();
        // padding



        // padding



        // padding
}
