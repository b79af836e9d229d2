"""CLI, experiment sweeps, and the HTTP service for interactive play."""
