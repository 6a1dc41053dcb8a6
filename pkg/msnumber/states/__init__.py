"""Graph-state quantities and closed forms."""
