"""
Utility scripts package
"""
