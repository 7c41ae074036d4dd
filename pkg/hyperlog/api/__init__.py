"""
Command handlers behind the hyperlog CLI
"""
