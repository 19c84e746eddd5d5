# Services package marker
