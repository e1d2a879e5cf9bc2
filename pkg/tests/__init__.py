"""Test suite for casaskit."""
