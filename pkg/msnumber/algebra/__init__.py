"""GF(2) linear algebra and quadratic forms."""
