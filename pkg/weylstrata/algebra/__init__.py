"""algebra package for weylstrata"""
