"""Offline electronic-structure driver emitting integral fixtures and golden FCI values."""
