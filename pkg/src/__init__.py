# TFP Coloring Toolkit
"""无三角形平面图 3-着色工具箱：请求、5-圈分解、列表着色、Clebsch 同态与齿轮"""

__version__ = "0.1.0"
