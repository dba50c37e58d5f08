"""Tests for chulaws."""
