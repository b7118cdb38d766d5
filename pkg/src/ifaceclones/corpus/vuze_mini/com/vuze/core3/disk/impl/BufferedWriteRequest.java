package com.vuze.core3.disk.impl;

import java.nio.ByteBuffer;

import com.vuze.core3.disk.DiskManagerWriteRequest;

public class BufferedWriteRequest implements DiskManagerWriteRequest {
    private final ByteBuffer buffer;
    private final Object user;
    private final int piece;

    public BufferedWriteRequest(ByteBuffer buffer, int piece, Object user) {
        this.buffer = buffer;
        this.piece = piece;
        this.user = user;
    }

    public int getPieceNumber() { return piece; }

    public int getOffset() { return buffer.position(); }

    public int getLength() { return buffer.remaining(); }

    public ByteBuffer getBuffer() { return buffer; }

    public Object getUserData() { return user; }
}
