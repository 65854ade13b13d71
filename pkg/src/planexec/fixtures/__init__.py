"""Bundled deterministic fixtures: mock applications, a synthetic OpenAPI
corpus, simulated sites, and benchmark-shaped result sets."""
