package com.vuze.util;

/** Tag interface with no methods. */
public interface Marker {
}
