"""Weighted uniform polynomial approximation with A* weights."""
