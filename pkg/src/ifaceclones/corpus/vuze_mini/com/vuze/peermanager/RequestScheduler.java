package com.vuze.peermanager;

public class RequestScheduler {
    private com.vuze.disk.access.DiskManagerReadRequest current;

    public int nextOffset() {
        return current.getOffset();
    }

    public long age(com.vuze.peermanager.DiskManagerReadRequest request) {
        long created = request.getTimeCreated(0L);
        return created + request.getLength();
    }
}
