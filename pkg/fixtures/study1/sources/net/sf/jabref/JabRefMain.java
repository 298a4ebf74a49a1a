package net.sf.jabref;

public class JabRefMain {

    public Object main(String[]) {
        // padding

        handleEntry(current, database);

        // padding



        // padding



        // padding



        // padding



        // padding



}
