var config = {};
var nested = {
  name: "deep",
  inner: { a: 1, b: { c: [1, 2, 3] } },
  "string key": 4,
  5: "number key",
  list: [{ id: 1 }, { id: 2 }]
};
var key = nested.inner.b.c[0];
var shorthand = { key };
var mixed = { key, label: "x" };
nested.inner.a = nested["string key"] + mixed.label.length;
