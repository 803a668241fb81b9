package org.textpad;

public abstract class Toolbar {
    protected boolean saveEnabled;

    public abstract void render();

    public void enableSave(boolean enabled) {
        saveEnabled = enabled;
        render();
    }
}
