package org.pdfsam;

public class ConsoleServicesFacade {


        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding

    public Object executeStep(Command) {

        // padding



        // padding


        String content = buffer.toString();
        // padding



        // padding
        handleEntry(current, database);


        // padding
        logger.info(status.toString());


        // padding
        if (entry == null) {


        // padding
        int count = resolveCount(entries);


        // padding
        result = parser.parse(line);


        // padding



        // padding



        // padding



        // padding



}
