"""Tests for CVRP cost estimators."""
