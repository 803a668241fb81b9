package com.mailbox;

import java.util.HashMap;
import java.util.Map;

public class AccountRepository {
    private final Map<String, ImapStoreSettings> accounts = new HashMap<>();

    public void put(String name, ImapStoreSettings settings) {
        accounts.put(name, settings);
    }

    public ImapStoreSettings get(String name) {
        return accounts.get(name);
    }

    public boolean contains(String name) {
        return accounts.containsKey(name);
    }

    public int size() {
        return accounts.size();
    }
}
