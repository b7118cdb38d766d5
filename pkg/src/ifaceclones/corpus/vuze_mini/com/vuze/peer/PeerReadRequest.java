package com.vuze.peer;

public interface PeerReadRequest {
    int getPieceNumber();

    int getOffset();

    int getLength();

    boolean isExpired();

    void cancel();
}
