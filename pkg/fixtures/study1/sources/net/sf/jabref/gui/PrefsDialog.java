package net.sf.jabref.gui;

public class PrefsDialog {


        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



    public Object setValues() {



        // padding



        // padding

        handleEntry(current, database);

        // padding



        // padding



        // padding



        // padding



        // padding

        logger.info(status.toString());

        // padding



        // padding



}
