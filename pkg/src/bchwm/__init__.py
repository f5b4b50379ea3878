"""Blind BCH syndrome-coding watermarking in the block DCT domain."""

__version__ = "0.1.0"
