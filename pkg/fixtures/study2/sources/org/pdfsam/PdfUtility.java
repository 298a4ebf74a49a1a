package org.pdfsam;

public class PdfUtility {


        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding

    public Object validate(File) {

        // padding



        if (entry == null) {

        String content = buffer.toString();

        // padding



        return result;



        if (count > 0) {



        } else if (panel.isReady()) {



        int count = resolveCount(entries);



        result = parser.parse(line);



        // padding



        // padding



}
