"""Configuration schema and file management."""
