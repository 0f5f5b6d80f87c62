"""Tests for hvrp."""
