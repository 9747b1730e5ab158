function map(items, fn) {
  var out = [];
  for (var i = 0; i < items.length; i = i + 1) {
    out[out.length] = fn(items[i], i);
  }
  return out;
}

function filter(items, keep) {
  var out = [];
  for (var i = 0; i < items.length; i = i + 1) {
    if (keep(items[i])) {
      out[out.length] = items[i];
    }
  }
  return out;
}

function reduce(items, fn, init) {
  var acc = init;
  for (var i = 0; i < items.length; i = i + 1) {
    acc = fn(acc, items[i]);
  }
  return acc;
}

var double = (x) => x * 2;
var evens = (xs) => filter(xs, (x) => x % 2 === 0);

module.exports = { map: map, filter: filter, reduce: reduce, double: double, evens: evens };
