"""ui package for weylstrata"""
