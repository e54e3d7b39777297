# 测试模块
"""TFP Coloring Toolkit 测试"""
