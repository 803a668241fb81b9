package org.textpad;

public class Editor {
    private Document document;
    private final FileService files;
    private final Toolbar toolbar;
    private int cursor;

    public Editor(FileService files, Toolbar toolbar) {
        this.files = files;
        this.toolbar = toolbar;
    }

    public void open(String path) {
        document = files.load(path);
        cursor = 0;
        toolbar.enableSave(false);
    }

    public void type(String text) {
        if (document == null) {
            return;
        }
        document.append(text);
        cursor += text.length();
        toolbar.enableSave(document.isDirty());
    }

    public void save() {
        if (document != null && document.isDirty()) {
            files.store(document);
            document.markSaved();
            toolbar.enableSave(false);
        }
    }

    public int cursor() {
        return cursor;
    }

    public String currentTitle() {
        return document == null ? "untitled" : document.getTitle().trim().toUpperCase().intern();
    }
}
