"""Tests for CVRP routing."""
