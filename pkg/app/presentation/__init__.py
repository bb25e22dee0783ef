"""Command line and JSON HTTP surfaces."""
