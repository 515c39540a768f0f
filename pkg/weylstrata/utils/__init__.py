"""utils package for weylstrata"""
