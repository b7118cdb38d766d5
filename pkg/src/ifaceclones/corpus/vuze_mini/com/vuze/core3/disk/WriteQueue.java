package com.vuze.core3.disk;

import java.nio.ByteBuffer;

public class WriteQueue {
    public void flush(Object source) {
        DiskManagerWriteRequest request = (DiskManagerWriteRequest) source;
        int piece = request.getPieceNumber();
        int offset = request.getOffset();
        int length = request.getLength();
        ByteBuffer data = request.getBuffer();
        Object tag = request.getUserData();
        System.out.println(piece + offset + length + data.limit() + String.valueOf(tag));
    }
}
