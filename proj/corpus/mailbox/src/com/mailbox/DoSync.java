package com.mailbox;

public class DoSync {
    public void run(SyncCoordinator coordinator, String[] names) {
        coordinator.syncAll(names);
    }
}
