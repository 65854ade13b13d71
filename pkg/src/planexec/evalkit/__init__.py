"""Evaluate-analyze-enhance harness: sampling, runner, metrics, stores, service."""
