package com.vuze.peermanager;

import com.vuze.peer.PeerReadRequest;

public interface DiskManagerReadRequest extends PeerReadRequest {
    int getPieceNumber();

    int getOffset();

    int getLength();

    long getTimeCreated(long now);
}
