"""Tests for the spiral surrogate toolkit."""
