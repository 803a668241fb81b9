package com.mailbox;

public class ImapStoreSettings {
    public static int instances;
    private final String host;
    private final int port;
    private final String security;
    private final AuthType authType;
    private final String username;
    private final String password;
    private final String clientCert;
    private final boolean autoDetect;
    private final String pathPrefix;

    public ImapStoreSettings(String host, int port, String security, AuthType authType, String username,
                             String password, String clientCert, boolean autoDetect, String pathPrefix) {
        this.host = host;
        this.port = port;
        this.security = security;
        this.authType = authType;
        this.username = username;
        this.password = password;
        this.clientCert = clientCert;
        this.autoDetect = autoDetect;
        this.pathPrefix = pathPrefix;
        instances++;
    }

    public static ImapStoreSettings basic(String host, int port, String username, String password,
                                          AuthType authType) {
        return new ImapStoreSettings(host, port, "none", authType, username, password, null, true, "");
    }

    public String uri() {
        return security + "://" + username + "@" + host + ":" + port + "/" + pathPrefix;
    }

    public boolean usesCertificate() {
        return clientCert != null && authType == AuthType.EXTERNAL;
    }

    public boolean hasPassword() {
        return password != null && !password.isEmpty();
    }

    public boolean isAutoDetect() {
        return autoDetect;
    }
}
