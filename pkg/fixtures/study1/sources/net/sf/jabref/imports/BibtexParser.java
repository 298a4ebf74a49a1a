package net.sf.jabref.imports;

public class BibtexParser {


        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding

    public Object parse(String) {

        if (entry == null) {



        handleEntry(current, database);



        logger.info(status.toString());



        panel.refresh();



        writer.flush();



        entries.add(entry.clone());



        handleEntry(current, database);



        logger.info(status.toString());



        panel.refresh();



        writer.flush();



        entries.add(entry.clone());



        handleEntry(current, database);



        logger.info(status.toString());



        panel.refresh();



        writer.flush();



        entries.add(entry.clone());



    public Object parseEntry(String) {

        handleEntry(current, database);

        // padding

        logger.info(status.toString());

        // padding

        panel.refresh();

        String content = buffer.toString();

        writer.flush();

        // padding

        entries.add(entry.clone());

        // padding

        handleEntry(current, database);

    public Object parseFileContent(String) {
        int count = resolveCount(entries);


        // padding



        // padding
        if (count > 0) {
        } else if (panel.isReady()) {

        // padding


        if (entry == null) {
        // padding

        result = parser.parse(line);

        // padding



        // padding

        if (count > 0) {

        // padding



        // padding



        // padding



        // padding



        // padding



        } else if (panel.isReady()) {
        if (entry == null) {


        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding



        // padding
        if (count > 0) {

    public Object shouldCollectComments() {
        // padding



        // padding



        // padding



        // padding



        // padding

}
