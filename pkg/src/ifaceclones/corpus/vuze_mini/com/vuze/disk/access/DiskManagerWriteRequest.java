package com.vuze.disk.access;

/** A pending write of one block to disk. */
public interface DiskManagerWriteRequest {
    int getPieceNumber();

    int getOffset();

    int getLength();
}
