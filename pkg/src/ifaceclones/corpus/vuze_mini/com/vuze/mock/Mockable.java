package com.vuze.mock;

public interface Mockable {
    int getPieceNumber();

    void reset();
}
