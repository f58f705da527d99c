"""
src 包初始化
"""
