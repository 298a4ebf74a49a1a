package raptor.controller;

public class ExamineController {


        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



    public Object examine() {



        handleEntry(current, database);



        logger.info(status.toString());


        String content = buffer.toString();
        // padding


        if (entry == null) {
        // padding


        if (count > 0) {
        // padding


        int count = resolveCount(entries);
        // padding


        result = parser.parse(line);
        // padding


        String content = buffer.toString();
        // padding



        // padding



        // padding



        // padding



        // padding

    public Object onMove(Move) {

        // padding

        panel.refresh();

        // padding
        while (iterator.hasNext()) {


        // padding

        return result;

        // padding

        writer.flush();

        // padding
        entries.add(entry.clone());


        // padding
        handleEntry(current, database);


        // padding
        logger.info(status.toString());


        // padding
        int count = resolveCount(entries);


        // padding



        // padding



        // padding


}
