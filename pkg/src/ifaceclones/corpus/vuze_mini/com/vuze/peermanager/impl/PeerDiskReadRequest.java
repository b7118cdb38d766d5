package com.vuze.peermanager.impl;

import com.vuze.peermanager.DiskManagerReadRequest;

public class PeerDiskReadRequest implements DiskManagerReadRequest {
    private final int[] span;
    private final long created;
    private boolean expired;

    public PeerDiskReadRequest(int[] span, long created) {
        this.span = span;
        this.created = created;
    }

    public int getPieceNumber() { return span[0]; }

    public int getOffset() { return span[1]; }

    public int getLength() { return span[2]; }

    public long getTimeCreated(long now) {
        return created > now ? now : created;
    }

    public boolean isExpired() { return expired; }

    public void cancel() { expired = true; }
}
