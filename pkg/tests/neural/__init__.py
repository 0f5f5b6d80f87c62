"""Tests for the learned cost predictor."""
