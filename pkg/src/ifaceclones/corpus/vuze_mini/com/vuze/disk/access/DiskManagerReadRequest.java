package com.vuze.disk.access;

/** A pending read of one block from disk. */
public interface DiskManagerReadRequest {
    int getPieceNumber();

    int getOffset();

    int getLength();
}
