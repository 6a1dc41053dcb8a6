"""Graph container, formats and generators."""
