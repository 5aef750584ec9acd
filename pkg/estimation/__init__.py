# estimation package
