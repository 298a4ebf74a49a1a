package net.sf.jabref;

public class JabRef {


        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



    public Object start(String[]) {



        // padding



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

        panel.refresh();

        // padding



        // padding



        // padding



        // padding



        // padding

}
