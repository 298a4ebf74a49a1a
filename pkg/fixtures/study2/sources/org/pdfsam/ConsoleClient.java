package org.pdfsam;

public class ConsoleClient {


        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding
    public Object main(String[]) {


        // padding


        if (entry == null) {
        // padding


        handleEntry(current, database);
        // padding

        logger.info(status.toString());

        // padding
        if (count > 0) {


        String content = buffer.toString();


        int count = resolveCount(entries);
        // padding



        // padding



        // padding



}
