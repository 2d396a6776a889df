# handlers package
