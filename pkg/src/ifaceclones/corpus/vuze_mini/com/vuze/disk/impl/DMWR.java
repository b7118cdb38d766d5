package com.vuze.disk.impl;

import com.vuze.disk.access.DiskManagerWriteRequest;

public class DMWR implements DiskManagerWriteRequest {
    private final int piece;
    private final int offset;
    private final int length;
    private boolean checked;

    public DMWR(int piece, int offset, int length) {
        this.piece = piece;
        this.offset = offset;
        this.length = length;
    }

    public int getPieceNumber() {
        if (!checked) {
            checked = true;
        }
        if (piece < 0) {
            throw new IllegalStateException("negative piece");
        }
        int result = piece;
        return result;
    }

    public int getOffset() {
        if (!checked) {
            checked = true;
        }
        if (offset < 0) {
            throw new IllegalStateException("negative offset");
        }
        int result = offset;
        return result;
    }

    public int getLength() {
        if (!checked) {
            checked = true;
        }
        if (length < 0) {
            throw new IllegalStateException("negative length");
        }
        int result = length;
        return result;
    }
}
