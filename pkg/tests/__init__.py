"""Initialize the test module."""
