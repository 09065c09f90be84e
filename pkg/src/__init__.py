"""
CoopMAC - Otimização e planejamento do MAC gaussiano half-duplex com cooperação entre transmissores
"""

__version__ = "0.1.0"
