package com.mailbox;

public enum AuthType {
    PLAIN,
    CRAM_MD5,
    EXTERNAL,
    XOAUTH2,
    AUTOMATIC,
    LOGIN;

    public boolean isSecure() {
        return this == CRAM_MD5 || this == EXTERNAL || this == XOAUTH2;
    }
}
