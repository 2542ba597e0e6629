"""Test suite for eigenblock"""
