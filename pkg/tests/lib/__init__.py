"""Initialize the testing library."""
