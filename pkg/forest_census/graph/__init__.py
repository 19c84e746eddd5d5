# Graph package marker
