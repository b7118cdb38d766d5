package com.vuze.peer;

import java.util.ArrayList;
import java.util.List;

public class PeerConnection {
    private final List<Integer> pieces = new ArrayList<>();

    public void onRequest(PeerReadRequest request) {
        if (request.isExpired()) {
            return;
        }
        pieces.add(request.getPieceNumber());
    }
}
