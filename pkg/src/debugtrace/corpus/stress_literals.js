var int = 42;
var float = 3.14159;
var exp = 6.02e23;
var negexp = 1.5e-8;
var single = 'single quoted';
var double = "double quoted";
var escaped = "line\nbreak \"quoted\" tab\t";
var truthy = true;
var falsy = false;
var nothing = null;
var empty = "";
