"""Tests for the genetic depot-assignment search."""
