"""Shared pytest configuration for the chulaws suites."""

from hypothesis import settings

# Exact arithmetic on numpy arrays has uneven per-example timings.
settings.register_profile("chulaws", deadline=None, max_examples=50)
settings.load_profile("chulaws")
