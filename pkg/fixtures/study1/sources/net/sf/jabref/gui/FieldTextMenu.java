package net.sf.jabref.gui;

public class FieldTextMenu {


        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding
    public Object mousePressed(MouseEvent) {


        // padding



        // padding

        String content = buffer.toString();

        // padding



        // padding



        // padding
}
