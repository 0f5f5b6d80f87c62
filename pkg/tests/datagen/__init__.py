"""Tests for training-data generation."""
