"""单元测试：core / domain / application / infrastructure / interface 各模块。"""
