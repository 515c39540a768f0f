"""core package for weylstrata"""
