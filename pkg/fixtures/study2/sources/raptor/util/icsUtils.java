package raptor.util;

public class icsUtils {


        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding

    public Object parseMessage(String) {

        // padding


        handleEntry(current, database);
        // padding


        logger.info(status.toString());
        // padding


        panel.refresh();
        // padding


        writer.flush();
        // padding


        entries.add(entry.clone());
        // padding


        handleEntry(current, database);
        // padding


        logger.info(status.toString());
        // padding


        panel.refresh();
        // padding


        if (entry == null) {
        // padding


        if (count > 0) {
        // padding


        String content = buffer.toString();
        // padding


        int count = resolveCount(entries);
        // padding


        result = parser.parse(line);
        // padding



        // padding



        // padding


}
