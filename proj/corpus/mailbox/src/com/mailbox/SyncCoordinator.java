package com.mailbox;

public class SyncCoordinator {
    private final AccountRepository repository;
    private final MessageListController controller;

    public SyncCoordinator(AccountRepository repository, MessageListController controller) {
        this.repository = repository;
        this.controller = controller;
    }

    public void syncAll(String[] names) {
        for (String name : names) {
            if (repository.contains(name)) {
                controller.refresh(repository.get(name));
            }
        }
    }
}
