package org.textpad;

import java.io.IOException;
import java.nio.file.Files;
import java.nio.file.Paths;
import java.util.List;

public class FileService {
    public static String lastError;

    public Document load(String path) {
        Document doc = new Document(path);
        try {
            List<String> content = Files.readAllLines(Paths.get(path));
            for (String line : content) {
                doc.append(line);
            }
        } catch (IOException e) {
            lastError = e.getMessage();
        }
        doc.markSaved();
        return doc;
    }

    public boolean store(Document doc) {
        StringBuilder text = new StringBuilder();
        for (int i = 0; i < doc.lineCount(); i++) {
            text.append(doc.line(i)).append('\n');
        }
        try {
            Files.write(Paths.get(doc.getTitle()), text.toString().getBytes());
            return true;
        } catch (IOException e) {
            lastError = e.getMessage();
            return false;
        }
    }

    public String describe(String path, boolean verbose, int width, int height, String encoding,
                           boolean readOnly, String owner) {
        if (verbose) {
            return path + " " + width + "x" + height + " " + encoding + (readOnly ? " ro" : " rw") + " " + owner;
        }
        return path;
    }
}
