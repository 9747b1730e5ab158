var box = { inner: { value: 0 }, list: [0, 0] };
var alias = box;
box.inner.value = 10;
box.list[0] = 20;
box.list[box.inner.value - 9] = 30;
alias.inner.value += 5;
var swap = box.list[0];
box.list[0] = box.list[1];
box.list[1] = swap;
