package com.vuze.disk;

import com.vuze.disk.access.DiskManagerReadRequest;
import com.vuze.disk.access.DiskManagerWriteRequest;

public class DiskManagerImpl {
    private long bytesRead;

    public void read(DiskManagerReadRequest request) {
        int piece = request.getPieceNumber();
        int start = request.getOffset();
        bytesRead += request.getLength();
        log(piece, start);
    }

    public void write(DiskManagerWriteRequest request) {
        log(-1, request.getOffset());
    }

    private void log(int piece, int start) {
        System.out.println(piece + ":" + start + " total " + bytesRead);
    }
}
