"""Stream classification and verification pipelines."""
