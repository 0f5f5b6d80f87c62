"""Tests for location-routing."""
