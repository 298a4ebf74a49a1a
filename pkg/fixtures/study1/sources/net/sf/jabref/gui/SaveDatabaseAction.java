package net.sf.jabref.gui;

public class SaveDatabaseAction {


        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



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


        return result;
        // padding



        // padding



        // padding

        if (entry == null) {

        // padding



        // padding



        // padding

    public Object save() {

        // padding


        handleEntry(current, database);
        // padding



        // padding



        // padding



        // padding

}
