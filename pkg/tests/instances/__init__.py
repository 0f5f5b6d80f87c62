"""Tests for instance types, generators and file formats."""
