package com.vuze.core3.disk;

import java.nio.ByteBuffer;

public interface DiskManagerWriteRequest {
    int getPieceNumber();

    int getOffset();

    int getLength();

    ByteBuffer getBuffer();

    Object getUserData();
}
