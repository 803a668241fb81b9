package com.mailbox;

import java.util.ArrayList;
import java.util.List;

public class MessageListController {
    private final List<String> visible = new ArrayList<>();
    private int unread;
    private String filter = "";

    public void refresh(ImapStoreSettings settings) {
        visible.clear();
        if (settings == null) {
            return;
        }
        if (settings.usesCertificate()) {
            visible.add("secure:" + settings.uri());
        } else if (settings.hasPassword()) {
            visible.add(settings.uri());
        } else {
            visible.add("anonymous");
        }
        unread = 0;
        for (String item : visible) {
            if (!filter.isEmpty() && item.contains(filter)) {
                unread++;
            } else if (filter.isEmpty()) {
                unread++;
            }
        }
    }

    public void applyFilter(String text) {
        filter = text == null ? "" : text;
    }

    public int unread() {
        return unread;
    }

    public List<String> visible() {
        return visible;
    }
}
