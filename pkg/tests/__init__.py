"""Tests for gkls-lab."""
