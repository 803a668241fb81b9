package org.textpad;

import java.util.ArrayList;
import java.util.List;

public class Document {
    public String title;
    private final List<String> lines = new ArrayList<>();
    private boolean dirty;

    public Document(String title) {
        this.title = title;
    }

    public String getTitle() {
        return title;
    }

    public void setTitle(String title) {
        this.title = title;
        dirty = true;
    }

    public boolean isDirty() {
        return dirty;
    }

    public int lineCount() {
        return lines.size();
    }

    public String line(int index) {
        return lines.get(index);
    }

    public void append(String text) {
        lines.add(text);
        dirty = true;
    }

    public void markSaved() {
        dirty = false;
    }
}
