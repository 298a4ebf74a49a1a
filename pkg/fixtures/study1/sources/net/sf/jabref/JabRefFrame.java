package net.sf.jabref;

public class JabRefFrame {


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

    public Object init() {

        // padding



        // padding



        // padding



        // padding



        // padding
        return result;


        // padding



        // padding



}
