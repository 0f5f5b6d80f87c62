"""Exceptions, error formatting, decorators and output formatters."""
