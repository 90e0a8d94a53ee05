"""Environment configuration for the Hall kernel"""
