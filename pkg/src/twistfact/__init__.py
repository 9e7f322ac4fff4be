"""Exact factorization in twisted special unitary groups over finite rings with involution."""

from .rings import APair, InvolutiveRing, ring_parse

__all__ = ["APair", "InvolutiveRing", "ring_parse"]
