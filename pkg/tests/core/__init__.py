"""Tests for core output and error handling."""
