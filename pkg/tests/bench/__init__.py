"""Tests for baselines, suites and experiment reports."""
